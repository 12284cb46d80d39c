{
    void comm_clean()
    {
        comm_close();
        if (port_name)
            free(port_name);
        port_name = NULL;
    }
}
